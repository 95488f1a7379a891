#pragma once

#include "vflow/errors.hpp"
#include "vflow/field.hpp"
#include "vflow/fourier.hpp"
#include "vflow/grid_ops.hpp"
#include "vflow/io.hpp"
#include "vflow/joint.hpp"
#include "vflow/mask.hpp"
#include "vflow/measurement.hpp"
#include "vflow/metrics.hpp"
#include "vflow/pdhg.hpp"
#include "vflow/phantom.hpp"
#include "vflow/render.hpp"
#include "vflow/sequential.hpp"
