/*
Copyright 2026 The VCMF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include "vcmf/arith.hpp"
#include "vcmf/bitstream.hpp"
#include "vcmf/edge.hpp"
#include "vcmf/error.hpp"
#include "vcmf/geometry.hpp"
#include "vcmf/image.hpp"
#include "vcmf/metrics.hpp"
#include "vcmf/ppm.hpp"
#include "vcmf/recon.hpp"
#include "vcmf/refpix.hpp"
#include "vcmf/vectorize.hpp"
