#pragma once

#include "guesslab/bitword.hpp"
#include "guesslab/exact.hpp"
#include "guesslab/family.hpp"
#include "guesslab/generators.hpp"
#include "guesslab/montecarlo.hpp"
#include "guesslab/pibound.hpp"
#include "guesslab/rng.hpp"
#include "guesslab/scalar.hpp"
#include "guesslab/sequence.hpp"
#include "guesslab/tree.hpp"
#include "guesslab/walks.hpp"
