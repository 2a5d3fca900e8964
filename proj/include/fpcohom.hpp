#pragma once

#include "fpcohom/arith.hpp"
#include "fpcohom/group_ring.hpp"
#include "fpcohom/cochain.hpp"
#include "fpcohom/generators.hpp"
#include "fpcohom/algebra.hpp"
#include "fpcohom/oracle.hpp"
#include "fpcohom/document.hpp"
