// Copyright 2026 The ucert Authors
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

// Umbrella header.

#include "ucert/bounds.hpp"
#include "ucert/certify.hpp"
#include "ucert/ellipsoid.hpp"
#include "ucert/entropy.hpp"
#include "ucert/error.hpp"
#include "ucert/gamma.hpp"
#include "ucert/matcore.hpp"
#include "ucert/oracle.hpp"
#include "ucert/random.hpp"
