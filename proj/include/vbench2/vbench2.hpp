#pragma once

#include "vbench2/aggregation.hpp"
#include "vbench2/appearance.hpp"
#include "vbench2/backend.hpp"
#include "vbench2/constants.hpp"
#include "vbench2/dimensions.hpp"
#include "vbench2/engines.hpp"
#include "vbench2/errors.hpp"
#include "vbench2/geometry.hpp"
#include "vbench2/harness.hpp"
#include "vbench2/mock_backend.hpp"
#include "vbench2/prompts.hpp"
#include "vbench2/registry.hpp"
#include "vbench2/suite.hpp"
#include "vbench2/video.hpp"
