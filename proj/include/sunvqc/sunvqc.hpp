// Copyright 2026 The sunvqc Authors
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
/// @file Umbrella header.
#pragma once

#include "sunvqc/ansatz.hpp"
#include "sunvqc/config.hpp"
#include "sunvqc/csv.hpp"
#include "sunvqc/data.hpp"
#include "sunvqc/gradients.hpp"
#include "sunvqc/linalg.hpp"
#include "sunvqc/objectives.hpp"
#include "sunvqc/pauli.hpp"
#include "sunvqc/rng.hpp"
#include "sunvqc/statevector.hpp"
#include "sunvqc/training.hpp"
#include "sunvqc/version.hpp"
