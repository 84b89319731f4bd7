#pragma once

#include "thdet/log_value.hpp"
#include "thdet/special_functions.hpp"
#include "thdet/symbol.hpp"
#include "thdet/fourier.hpp"
#include "thdet/matrix_kernel.hpp"
#include "thdet/closed_forms.hpp"
#include "thdet/asymptotics.hpp"
#include "thdet/identity_suite.hpp"
#include "thdet/experiment.hpp"
#include "thdet/io.hpp"
