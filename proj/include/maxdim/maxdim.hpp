#ifndef MAXDIM_MAXDIM_HPP
#define MAXDIM_MAXDIM_HPP

// Umbrella header for the maxdim workbench.

#include "maxdim/bitset.hpp"
#include "maxdim/cache.hpp"
#include "maxdim/checks.hpp"
#include "maxdim/config.hpp"
#include "maxdim/corpus.hpp"
#include "maxdim/errors.hpp"
#include "maxdim/fp.hpp"
#include "maxdim/general_position.hpp"
#include "maxdim/goursat.hpp"
#include "maxdim/group.hpp"
#include "maxdim/groupspec.hpp"
#include "maxdim/homomorphism.hpp"
#include "maxdim/invariants.hpp"
#include "maxdim/lattice.hpp"
#include "maxdim/module_action.hpp"
#include "maxdim/perm.hpp"
#include "maxdim/product.hpp"
#include "maxdim/psl2.hpp"
#include "maxdim/rank_search.hpp"
#include "maxdim/report.hpp"
#include "maxdim/semidirect.hpp"
#include "maxdim/subgroup.hpp"

#endif  // MAXDIM_MAXDIM_HPP
