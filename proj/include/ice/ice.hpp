#pragma once

#include "ice/errors.hpp"
#include "ice/poly.hpp"
#include "ice/matrix.hpp"
#include "ice/linalg.hpp"
#include "ice/weights.hpp"
#include "ice/yang_baxter.hpp"
#include "ice/lattice.hpp"
#include "ice/schur.hpp"
#include "ice/verify.hpp"
