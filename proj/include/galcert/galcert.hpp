#pragma once

#include "galcert/rational.hpp"
#include "galcert/lattice.hpp"
#include "galcert/cover.hpp"
#include "galcert/certify.hpp"
#include "galcert/enumerate.hpp"
#include "galcert/quadrature.hpp"
#include "galcert/kenergy.hpp"
#include "galcert/io.hpp"
