#pragma once

#include "lfun/arith.hpp"
#include "lfun/errors.hpp"
#include "lfun/int128.hpp"
#include "lfun/io.hpp"
#include "lfun/newform.hpp"
#include "lfun/perron.hpp"
#include "lfun/profile.hpp"
#include "lfun/psi.hpp"
#include "lfun/report.hpp"
#include "lfun/satake.hpp"
#include "lfun/sign.hpp"
#include "lfun/zeros.hpp"
