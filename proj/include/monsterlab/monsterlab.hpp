// Copyright 2026 The monsterlab Authors
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

#include "monsterlab/free_group.hpp"
#include "monsterlab/graph.hpp"
#include "monsterlab/graph_source.hpp"
#include "monsterlab/harness.hpp"
#include "monsterlab/hyperbolic.hpp"
#include "monsterlab/json_io.hpp"
#include "monsterlab/labeling.hpp"
#include "monsterlab/named_graphs.hpp"
#include "monsterlab/parallel.hpp"
#include "monsterlab/pipeline.hpp"
#include "monsterlab/rng.hpp"
#include "monsterlab/walks.hpp"
