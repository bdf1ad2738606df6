#pragma once

#include "motzkin/core_arith.hpp"
#include "motzkin/density.hpp"
#include "motzkin/digit_eval.hpp"
#include "motzkin/errors.hpp"
#include "motzkin/scans.hpp"
#include "motzkin/sequence_tables.hpp"
#include "motzkin/symmetry.hpp"
#include "motzkin/trinomial_oracle.hpp"
