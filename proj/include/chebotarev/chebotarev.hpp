#pragma once

#include "chebotarev/covers.hpp"
#include "chebotarev/error.hpp"
#include "chebotarev/experiment.hpp"
#include "chebotarev/freewords.hpp"
#include "chebotarev/intmatrix.hpp"
#include "chebotarev/io.hpp"
#include "chebotarev/permgroup.hpp"
#include "chebotarev/quotients.hpp"
#include "chebotarev/report.hpp"
#include "chebotarev/sft.hpp"
