// Copyright 2026 The sqmetro Authors
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

#include "sqmetro/bayes.hpp"
#include "sqmetro/bounds.hpp"
#include "sqmetro/config.hpp"
#include "sqmetro/csv.hpp"
#include "sqmetro/experiments.hpp"
#include "sqmetro/figures.hpp"
#include "sqmetro/gaussian_state.hpp"
#include "sqmetro/measurement.hpp"
#include "sqmetro/report_io.hpp"
#include "sqmetro/rng.hpp"
#include "sqmetro/svg_plot.hpp"
