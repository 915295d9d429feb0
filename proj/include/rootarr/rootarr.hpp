#pragma once

#include "bitset.hpp"
#include "linalg.hpp"
#include "rootsystem.hpp"
#include "ideals.hpp"
#include "matroid.hpp"
#include "classify.hpp"
#include "verify.hpp"
#include "report.hpp"
