// Copyright 2026 The rm2sim Authors
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

#ifndef RM2_RM2_HPP_
#define RM2_RM2_HPP_

#include "rm2/actuator.hpp"
#include "rm2/benchlab.hpp"
#include "rm2/bus.hpp"
#include "rm2/controller.hpp"
#include "rm2/error.hpp"
#include "rm2/format.hpp"
#include "rm2/geodesy.hpp"
#include "rm2/physics.hpp"
#include "rm2/scenario.hpp"
#include "rm2/serial.hpp"
#include "rm2/simulator.hpp"
#include "rm2/units.hpp"

#endif  // RM2_RM2_HPP_
