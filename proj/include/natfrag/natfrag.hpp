#pragma once

#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"
#include "natfrag/sets.hpp"
#include "natfrag/oracle.hpp"
#include "natfrag/search_space.hpp"
#include "natfrag/approximation.hpp"
#include "natfrag/extraction.hpp"
#include "natfrag/coding.hpp"
#include "natfrag/analysis/pl_function.hpp"
#include "natfrag/analysis/measure.hpp"
#include "natfrag/analysis/rising_sun.hpp"
#include "natfrag/analysis/monotone.hpp"
#include "natfrag/analysis/hp_series.hpp"
