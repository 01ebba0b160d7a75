#pragma once

#include "anglekit/core.hpp"
#include "anglekit/decompose.hpp"
#include "anglekit/dilation.hpp"
#include "anglekit/involution.hpp"
#include "anglekit/io.hpp"
#include "anglekit/random.hpp"
#include "anglekit/subspace.hpp"
