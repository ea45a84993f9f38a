#pragma once

#include "complex.hpp"
#include "covering.hpp"
#include "css.hpp"
#include "distance.hpp"
#include "families.hpp"
#include "gf2.hpp"
#include "group.hpp"
#include "pipeline.hpp"
#include "poly.hpp"
#include "record.hpp"
#include "transfer.hpp"
