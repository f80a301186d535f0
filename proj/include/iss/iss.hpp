#pragma once

#include "iss/canonical.hpp"
#include "iss/frame.hpp"
#include "iss/model.hpp"
#include "iss/role.hpp"
#include "iss/syntax.hpp"
#include "iss/tarski.hpp"
#include "iss/textio.hpp"
#include "iss/types.hpp"
