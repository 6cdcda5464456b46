#pragma once

#include "tropep/assignment.hpp"
#include "tropep/charpoly.hpp"
#include "tropep/csv.hpp"
#include "tropep/error.hpp"
#include "tropep/models.hpp"
#include "tropep/newton_amoeba.hpp"
#include "tropep/numerics.hpp"
#include "tropep/poly.hpp"
#include "tropep/rational.hpp"
#include "tropep/spectrum.hpp"
#include "tropep/tropical.hpp"
