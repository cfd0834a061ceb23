#pragma once

#include "kcps/cnf.hpp"
#include "kcps/var_set.hpp"
#include "kcps/dnnf.hpp"
#include "kcps/queries.hpp"
#include "kcps/checker.hpp"
#include "kcps/compiler.hpp"
#include "kcps/oracle.hpp"
#include "kcps/cert_io.hpp"
