// Copyright 2026 The Sharpmark Authors. All Rights Reserved.
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

#ifndef SHARPMARK_SHARPMARK_HPP_
#define SHARPMARK_SHARPMARK_HPP_

#include "sharpmark/eval.hpp"
#include "sharpmark/filters.hpp"
#include "sharpmark/image.hpp"
#include "sharpmark/image_io.hpp"
#include "sharpmark/parallel.hpp"
#include "sharpmark/sharpness.hpp"
#include "sharpmark/stats.hpp"
#include "sharpmark/uwt.hpp"

#endif  // SHARPMARK_SHARPMARK_HPP_
