#pragma once

#include "hardyz/catalog.hpp"
#include "hardyz/context.hpp"
#include "hardyz/fk_chain.hpp"
#include "hardyz/gamma_factor.hpp"
#include "hardyz/l_evaluator.hpp"
#include "hardyz/selberg.hpp"
#include "hardyz/special_functions.hpp"
#include "hardyz/zero_lab.hpp"
