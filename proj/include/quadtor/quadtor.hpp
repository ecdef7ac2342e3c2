#pragma once

#include "quadtor/curve.hpp"
#include "quadtor/divpoly.hpp"
#include "quadtor/errors.hpp"
#include "quadtor/fixture.hpp"
#include "quadtor/groups.hpp"
#include "quadtor/growth.hpp"
#include "quadtor/poly.hpp"
#include "quadtor/rational.hpp"
#include "quadtor/report_json.hpp"
#include "quadtor/roots.hpp"
#include "quadtor/tables.hpp"
#include "quadtor/tate.hpp"
#include "quadtor/torsion.hpp"
#include "quadtor/tower.hpp"
