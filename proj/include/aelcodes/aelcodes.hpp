/**************************************************************************
 * aelcodes.hpp
 *
 * Copyright 2026 The aelcodes Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/


#pragma once

#include "ael.hpp"
#include "config.hpp"
#include "dist_decoder.hpp"
#include "error.hpp"
#include "expander.hpp"
#include "fraction.hpp"
#include "gf.hpp"
#include "inner_search.hpp"
#include "io.hpp"
#include "linear_code.hpp"
#include "list_verify.hpp"
#include "outer_code.hpp"
#include "plurality.hpp"
#include "rng.hpp"
