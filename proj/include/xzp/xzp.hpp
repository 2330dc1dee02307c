// Copyright 2026 The xzp Authors
//
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

#ifndef XZP_XZP_HPP
#define XZP_XZP_HPP

// Umbrella header.

#include "xzp/bigfloat.hpp"
#include "xzp/cm_points.hpp"
#include "xzp/common.hpp"
#include "xzp/elliptic.hpp"
#include "xzp/heights.hpp"
#include "xzp/intseries.hpp"
#include "xzp/linalg.hpp"
#include "xzp/model.hpp"
#include "xzp/model_match.hpp"
#include "xzp/modint.hpp"
#include "xzp/modular_param.hpp"
#include "xzp/monomials.hpp"
#include "xzp/pipeline.hpp"
#include "xzp/polynomial_text.hpp"
#include "xzp/published.hpp"
#include "xzp/published_check.hpp"
#include "xzp/qseries.hpp"
#include "xzp/serialize.hpp"
#include "xzp/sieve.hpp"

#endif  // XZP_XZP_HPP
