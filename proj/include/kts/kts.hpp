#ifndef KTS_KTS_HPP
#define KTS_KTS_HPP

#include "kts/vec2.hpp"
#include "kts/basis.hpp"
#include "kts/bounding.hpp"
#include "kts/reparam.hpp"
#include "kts/solver.hpp"
#include "kts/io.hpp"
#include "kts/experiments.hpp"

#endif // KTS_KTS_HPP
