// Copyright 2026 The PanoBench Authors.
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

// Umbrella header for the full toolkit.

#include "panobench/blob_io.hpp"    // IWYU pragma: export
#include "panobench/control.hpp"    // IWYU pragma: export
#include "panobench/curation.hpp"   // IWYU pragma: export
#include "panobench/elements.hpp"   // IWYU pragma: export
#include "panobench/eval.hpp"       // IWYU pragma: export
#include "panobench/formats.hpp"    // IWYU pragma: export
#include "panobench/geometry.hpp"   // IWYU pragma: export
#include "panobench/image.hpp"      // IWYU pragma: export
#include "panobench/png_io.hpp"     // IWYU pragma: export
#include "panobench/rng.hpp"        // IWYU pragma: export
#include "panobench/scoring.hpp"    // IWYU pragma: export
#include "panobench/segmentation.hpp"  // IWYU pragma: export
