// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "triroots/counting.hpp"
#include "triroots/errors.hpp"
#include "triroots/ffield.hpp"
#include "triroots/json_io.hpp"
#include "triroots/modring.hpp"
#include "triroots/numeric.hpp"
#include "triroots/oracle.hpp"
#include "triroots/polyform.hpp"
#include "triroots/quadring.hpp"
#include "triroots/selftest.hpp"
#include "triroots/starequiv.hpp"
