#pragma once

#include "logforms/algebra/text.hpp"
#include "logforms/cli/job.hpp"
#include "logforms/cli/run.hpp"
#include "logforms/deformation/ae.hpp"
#include "logforms/deformation/milnor.hpp"
#include "logforms/forms/derham.hpp"
#include "logforms/forms/wedge.hpp"
