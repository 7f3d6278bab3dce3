#pragma once

#include "ck/cocycle.hpp"
#include "ck/curves.hpp"
#include "ck/errors.hpp"
#include "ck/fundgrp.hpp"
#include "ck/geomstep.hpp"
#include "ck/k0ring.hpp"
#include "ck/linalg.hpp"
#include "ck/padic.hpp"
#include "ck/rational.hpp"
#include "ck/selmerdims.hpp"
#include "ck/shuffle.hpp"
