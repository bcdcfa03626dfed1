// Umbrella header.
#pragma once

#include "murkit/angles.hpp"
#include "murkit/approximation.hpp"
#include "murkit/compatibility.hpp"
#include "murkit/dense.hpp"
#include "murkit/dilation.hpp"
#include "murkit/error.hpp"
#include "murkit/inaccuracy.hpp"
#include "murkit/io.hpp"
#include "murkit/qubit.hpp"
#include "murkit/rng.hpp"
#include "murkit/rotation.hpp"
#include "murkit/sampling.hpp"
#include "murkit/tolerance.hpp"
#include "murkit/vec3.hpp"
