/*
 * Copyright 2026 The liquidrank Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "liquidrank/chart.hpp"
#include "liquidrank/csv.hpp"
#include "liquidrank/digest.hpp"
#include "liquidrank/error.hpp"
#include "liquidrank/eval.hpp"
#include "liquidrank/graph.hpp"
#include "liquidrank/ingest.hpp"
#include "liquidrank/io.hpp"
#include "liquidrank/pipeline.hpp"
#include "liquidrank/rank.hpp"
