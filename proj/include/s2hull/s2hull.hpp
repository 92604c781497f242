#pragma once

// Convenience header pulling in the whole library.

#include "s2hull/core.hpp"
#include "s2hull/hull.hpp"
#include "s2hull/io.hpp"
#include "s2hull/oracle.hpp"
#include "s2hull/regions.hpp"
#include "s2hull/sampling.hpp"
#include "s2hull/separation.hpp"
#include "s2hull/verify.hpp"
