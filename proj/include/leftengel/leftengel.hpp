#pragma once

#include "bit_matrix.hpp"
#include "engel.hpp"
#include "group.hpp"
#include "report.hpp"
#include "seed_algebra.hpp"
#include "star_algebra.hpp"
#include "suite.hpp"
