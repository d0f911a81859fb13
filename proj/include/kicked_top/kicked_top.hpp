// Copyright 2026 The kicked-top Authors
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

#include "kicked_top/chebyshev.hpp"
#include "kicked_top/classical.hpp"
#include "kicked_top/common.hpp"
#include "kicked_top/exact3.hpp"
#include "kicked_top/exact4.hpp"
#include "kicked_top/husimi.hpp"
#include "kicked_top/io.hpp"
#include "kicked_top/measures.hpp"
#include "kicked_top/symspace.hpp"
#include "kicked_top/tomo.hpp"
