#pragma once

#include "hallcrit/bounds.hpp"
#include "hallcrit/catalog.hpp"
#include "hallcrit/context.hpp"
#include "hallcrit/csl.hpp"
#include "hallcrit/error.hpp"
#include "hallcrit/group.hpp"
#include "hallcrit/hnf.hpp"
#include "hallcrit/lattice.hpp"
#include "hallcrit/naring.hpp"
#include "hallcrit/nilpotence.hpp"
