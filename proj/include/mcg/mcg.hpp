#pragma once

#include "authoring.hpp"
#include "checked.hpp"
#include "corpus.hpp"
#include "curve_table.hpp"
#include "homology.hpp"
#include "invariants.hpp"
#include "relation.hpp"
#include "rewrite.hpp"
#include "smith.hpp"
#include "solver.hpp"
#include "word.hpp"
#include "zg.hpp"
