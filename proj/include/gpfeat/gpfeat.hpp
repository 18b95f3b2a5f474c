#pragma once

#include "gpfeat/common/error.hpp"
#include "gpfeat/common/matrix.hpp"
#include "gpfeat/common/parallel.hpp"
#include "gpfeat/common/rng.hpp"

#include "gpfeat/exprtree/evaluate.hpp"
#include "gpfeat/exprtree/format.hpp"
#include "gpfeat/exprtree/operators.hpp"
#include "gpfeat/exprtree/tree.hpp"

#include "gpfeat/engine/config.hpp"
#include "gpfeat/engine/early_stop.hpp"
#include "gpfeat/engine/evolve.hpp"
#include "gpfeat/engine/generate.hpp"
#include "gpfeat/engine/hall_of_fame.hpp"
#include "gpfeat/engine/individual.hpp"
#include "gpfeat/engine/run_log.hpp"
#include "gpfeat/engine/selection.hpp"
#include "gpfeat/engine/variation.hpp"

#include "gpfeat/classifier/bootstrap.hpp"
#include "gpfeat/classifier/gbt.hpp"
#include "gpfeat/classifier/labels.hpp"
#include "gpfeat/classifier/metrics.hpp"
#include "gpfeat/classifier/model_io.hpp"

#include "gpfeat/data/csv.hpp"
#include "gpfeat/data/dataset.hpp"
#include "gpfeat/data/synthetic.hpp"

#include "gpfeat/fitness/cache.hpp"
#include "gpfeat/fitness/construct.hpp"
#include "gpfeat/fitness/fitness.hpp"
#include "gpfeat/fitness/record.hpp"

#include "gpfeat/analysis/cooccurrence.hpp"
#include "gpfeat/analysis/report.hpp"
#include "gpfeat/analysis/top.hpp"
#include "gpfeat/analysis/trajectory.hpp"

#include "gpfeat/cli/commands.hpp"
#include "gpfeat/cli/config.hpp"
