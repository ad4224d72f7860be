#pragma once

#include "divsum/arith.hpp"
#include "divsum/errors.hpp"
#include "divsum/identities.hpp"
#include "divsum/io.hpp"
#include "divsum/report.hpp"
#include "divsum/selberg.hpp"
#include "divsum/value.hpp"
#include "divsum/verify.hpp"
#include "divsum/zeta.hpp"
#include "divsum/zeta_checks.hpp"
