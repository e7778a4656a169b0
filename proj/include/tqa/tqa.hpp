#pragma once

// Umbrella header.

#include "tqa/annotate.hpp"
#include "tqa/backend.hpp"
#include "tqa/decompose.hpp"
#include "tqa/detect.hpp"
#include "tqa/errors.hpp"
#include "tqa/eval.hpp"
#include "tqa/kb.hpp"
#include "tqa/model.hpp"
#include "tqa/pipeline.hpp"
#include "tqa/reason.hpp"
#include "tqa/text.hpp"
#include "tqa/time.hpp"
#include "tqa/timex.hpp"
