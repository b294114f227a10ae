#pragma once

#include "setshaping/bigint.hpp"
#include "setshaping/errors.hpp"
#include "setshaping/experiment.hpp"
#include "setshaping/huffman.hpp"
#include "setshaping/oracle.hpp"
#include "setshaping/ranking.hpp"
#include "setshaping/rng.hpp"
#include "setshaping/sequence.hpp"
#include "setshaping/shaping.hpp"
#include "setshaping/typespace.hpp"
