#pragma once

#include "skewcat/error.hpp"
#include "skewcat/field.hpp"
#include "skewcat/linalg.hpp"
#include "skewcat/group.hpp"
#include "skewcat/parallel.hpp"
#include "skewcat/lincat.hpp"
#include "skewcat/constructions.hpp"
#include "skewcat/hochschild.hpp"
#include "skewcat/cohomology.hpp"
#include "skewcat/io.hpp"
#include "skewcat/driver.hpp"
