#pragma once

#include "irtt/axioms.hpp"
#include "irtt/error.hpp"
#include "irtt/interp.hpp"
#include "irtt/kernel.hpp"
#include "irtt/levels.hpp"
#include "irtt/localset.hpp"
#include "irtt/oracle.hpp"
#include "irtt/parse.hpp"
#include "irtt/print.hpp"
#include "irtt/proof.hpp"
#include "irtt/russell.hpp"
#include "irtt/sexpr.hpp"
#include "irtt/syntax.hpp"
#include "irtt/theory.hpp"
#include "irtt/typing.hpp"
