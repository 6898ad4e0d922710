// Copyright 2026 The qridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qridge/alpha.hpp"
#include "qridge/common.hpp"
#include "qridge/complex_matrix.hpp"
#include "qridge/dataset.hpp"
#include "qridge/harness.hpp"
#include "qridge/linalg.hpp"
#include "qridge/predict.hpp"
#include "qridge/qprimitives.hpp"
#include "qridge/qstate.hpp"
#include "qridge/report.hpp"
#include "qridge/rng.hpp"
