#pragma once

#include "geom/vec.hpp"
#include "geom/polyline.hpp"
#include "geom/mesh.hpp"
#include "geom/bvh.hpp"
#include "geom/intersect.hpp"
#include "geom/distance.hpp"
#include "geom/obj_io.hpp"
#include "construct/patch.hpp"
#include "construct/curves.hpp"
#include "construct/surfaces.hpp"
#include "construct/surgery.hpp"
#include "ledger/ledger.hpp"
#include "solver/area_gradient.hpp"
#include "solver/flips.hpp"
#include "solver/triangulate.hpp"
#include "solver/minimize.hpp"
#include "harness/report.hpp"
#include "harness/config.hpp"
#include "harness/examples.hpp"
