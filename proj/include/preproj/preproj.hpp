#ifndef PREPROJ_PREPROJ_HPP
#define PREPROJ_PREPROJ_HPP

#include "cyclotomic.hpp"
#include "diagnose.hpp"
#include "errors.hpp"
#include "fixedring.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "molien.hpp"
#include "poly.hpp"
#include "quiver.hpp"
#include "ratfun.hpp"
#include "trace.hpp"

#endif  // PREPROJ_PREPROJ_HPP
