#pragma once

#include "avme/certify.hpp"
#include "avme/combinat.hpp"
#include "avme/errors.hpp"
#include "avme/harness.hpp"
#include "avme/instances.hpp"
#include "avme/io.hpp"
#include "avme/linalg.hpp"
#include "avme/matrix.hpp"
#include "avme/solve.hpp"
