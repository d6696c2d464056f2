#ifndef CHARVAR_CHARVAR_HPP
#define CHARVAR_CHARVAR_HPP

#include <charvar/cover.hpp>
#include <charvar/error.hpp>
#include <charvar/exact.hpp>
#include <charvar/locus.hpp>
#include <charvar/morse.hpp>
#include <charvar/quat.hpp>
#include <charvar/random.hpp>
#include <charvar/rep.hpp>
#include <charvar/tolerances.hpp>
#include <charvar/torus.hpp>
#include <charvar/variety.hpp>

#endif  // CHARVAR_CHARVAR_HPP
