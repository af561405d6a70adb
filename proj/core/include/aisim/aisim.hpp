// Copyright 2026 The aisim Authors
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


#pragma once

#include "aisim/channel.hpp"
#include "aisim/checkpoint.hpp"
#include "aisim/complex_matrix.hpp"
#include "aisim/config.hpp"
#include "aisim/config_io.hpp"
#include "aisim/dataset.hpp"
#include "aisim/errors.hpp"
#include "aisim/experiments.hpp"
#include "aisim/forward.hpp"
#include "aisim/geometry.hpp"
#include "aisim/nonlinear.hpp"
#include "aisim/params.hpp"
#include "aisim/rng.hpp"
#include "aisim/training.hpp"
