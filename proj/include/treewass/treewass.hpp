#pragma once

#include "treewass/rational.hpp"
#include "treewass/tree.hpp"
#include "treewass/geodesic.hpp"
#include "treewass/measure.hpp"
#include "treewass/transportation.hpp"
#include "treewass/transport.hpp"
#include "treewass/radon.hpp"
#include "treewass/io.hpp"
