// Copyright 2026 The maxcov Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAXCOV_HPP_
#define MAXCOV_HPP_

#include "maxcov/curves.hpp"
#include "maxcov/errors.hpp"
#include "maxcov/generators.hpp"
#include "maxcov/greedy.hpp"
#include "maxcov/instance.hpp"
#include "maxcov/io.hpp"
#include "maxcov/lp.hpp"
#include "maxcov/multilinear.hpp"
#include "maxcov/normal.hpp"
#include "maxcov/oracle.hpp"
#include "maxcov/random.hpp"
#include "maxcov/rational.hpp"
#include "maxcov/rounding.hpp"
#include "maxcov/sdp.hpp"
#include "maxcov/separation.hpp"

#endif  // MAXCOV_HPP_
