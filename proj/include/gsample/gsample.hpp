// Copyright 2026 The gsample Authors.
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

// Convenience umbrella for the whole library.

#ifndef GSAMPLE_GSAMPLE_HPP_
#define GSAMPLE_GSAMPLE_HPP_

#include "gsample/core.hpp"
#include "gsample/experiment.hpp"
#include "gsample/givens.hpp"
#include "gsample/graph.hpp"
#include "gsample/graph_io.hpp"
#include "gsample/inverse_update.hpp"
#include "gsample/oracle.hpp"
#include "gsample/parallel.hpp"
#include "gsample/reconstruction.hpp"
#include "gsample/rng.hpp"
#include "gsample/selection.hpp"
#include "gsample/spectral.hpp"

#endif  // GSAMPLE_GSAMPLE_HPP_
