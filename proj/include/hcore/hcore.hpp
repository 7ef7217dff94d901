#pragma once

#include "hcore/cohort.hpp"
#include "hcore/config.hpp"
#include "hcore/errors.hpp"
#include "hcore/indicators.hpp"
#include "hcore/ingest.hpp"
#include "hcore/profile.hpp"
#include "hcore/srm.hpp"
#include "hcore/svg.hpp"
