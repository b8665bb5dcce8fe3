#pragma once

// Umbrella header for the library (the CLI lives in foldclust/cli.hpp).

#include "foldclust/canonical.hpp"
#include "foldclust/character_table.hpp"
#include "foldclust/cluster.hpp"
#include "foldclust/cyclotomic.hpp"
#include "foldclust/dynkin.hpp"
#include "foldclust/error.hpp"
#include "foldclust/folding.hpp"
#include "foldclust/group_action.hpp"
#include "foldclust/integer.hpp"
#include "foldclust/laurent.hpp"
#include "foldclust/linalg.hpp"
#include "foldclust/matrix.hpp"
#include "foldclust/mutation.hpp"
#include "foldclust/quiver.hpp"
#include "foldclust/random.hpp"
#include "foldclust/roots.hpp"
#include "foldclust/weyl.hpp"
