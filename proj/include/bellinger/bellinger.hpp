#pragma once

#include "bellinger/combinatorics.hpp"
#include "bellinger/error.hpp"
#include "bellinger/matching.hpp"
#include "bellinger/model.hpp"
#include "bellinger/problem_io.hpp"
#include "bellinger/ranking.hpp"
#include "bellinger/report.hpp"
#include "bellinger/sensitivity.hpp"
