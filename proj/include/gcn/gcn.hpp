#pragma once

#include <gcn/rational.hpp>
#include <gcn/matrix.hpp>
#include <gcn/poly.hpp>
#include <gcn/univariate.hpp>
#include <gcn/geometry.hpp>
#include <gcn/poisedness.hpp>
#include <gcn/usage.hpp>
#include <gcn/constructions.hpp>
#include <gcn/io.hpp>
#include <gcn/harness.hpp>
#include <gcn/svg.hpp>
