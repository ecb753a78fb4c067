#pragma once

#include "zmoment/zeta/checks.hpp"
#include "zmoment/zeta/chi.hpp"
#include "zmoment/zeta/euler_maclaurin.hpp"
#include "zmoment/zeta/gamma.hpp"
#include "zmoment/zeta/hardy_z.hpp"
#include "zmoment/zeta/riemann_siegel.hpp"
#include "zmoment/zeta/theta.hpp"
#include "zmoment/zeta/zeta_sample.hpp"
