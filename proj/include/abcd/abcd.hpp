#pragma once

#include "abcd/assignment.hpp"
#include "abcd/dissection.hpp"
#include "abcd/ecg.hpp"
#include "abcd/errors.hpp"
#include "abcd/generator.hpp"
#include "abcd/graph.hpp"
#include "abcd/louvain.hpp"
#include "abcd/modularity.hpp"
#include "abcd/pairing.hpp"
#include "abcd/params.hpp"
#include "abcd/powerlaw.hpp"
#include "abcd/random.hpp"
#include "abcd/sequences.hpp"
#include "abcd/similarity.hpp"
#include "abcd/theory.hpp"
#include "abcd/weights.hpp"
