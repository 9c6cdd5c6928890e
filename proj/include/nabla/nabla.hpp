#pragma once

#include "nabla/calculus.hpp"
#include "nabla/error.hpp"
#include "nabla/gamma.hpp"
#include "nabla/green.hpp"
#include "nabla/grid.hpp"
#include "nabla/io.hpp"
#include "nabla/verify.hpp"
#include "nabla/linalg.hpp"
#include "nabla/lyapunov.hpp"
#include "nabla/monomials.hpp"
#include "nabla/solver.hpp"
