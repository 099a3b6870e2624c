#pragma once

#include "morera/analysis.hpp"
#include "morera/complex.hpp"
#include "morera/error.hpp"
#include "morera/exprparser.hpp"
#include "morera/extension.hpp"
#include "morera/fiber.hpp"
#include "morera/funczoo.hpp"
#include "morera/geometry.hpp"
#include "morera/gridfile.hpp"
#include "morera/quadrature.hpp"
#include "morera/report.hpp"
#include "morera/semiquadric.hpp"
