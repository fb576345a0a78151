#pragma once

#include "bhh/apply.hpp"
#include "bhh/blocked.hpp"
#include "bhh/dense.hpp"
#include "bhh/factor.hpp"
#include "bhh/io.hpp"
#include "bhh/random.hpp"
#include "bhh/reflectors.hpp"
#include "bhh/report.hpp"
#include "bhh/types.hpp"
