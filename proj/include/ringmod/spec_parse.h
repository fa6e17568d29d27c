#ifndef RINGMOD_SPEC_PARSE_H_
#define RINGMOD_SPEC_PARSE_H_

#include <map>
#include <string>
#include <vector>

#include "ringmod/dominating_factor.h"
#include "ringmod/geometry.h"
#include "ringmod/graph_modulus.h"
#include "ringmod/maps.h"

namespace ringmod {

// Maps:
//   identity | radial:a=<f> | twist | linear:<n*n floats, row-major>
//   | compose:<spec>;<spec>;...   (stages applied left to right)
// A suffix @fd or @fd=<h> on a map (or on a stage) selects
// finite-difference Jacobians.
MapSpec parse_map(const std::string& text);

// Shapes:
//   annulus:n=<int>,r0=<f>,r1=<f>[,c=<vec>]
//   semiring:n=<int>,r=<f>,R=<f>[,x0=<vec>]
//   apollonian:n=<int>,r0=<f>,r1=<f>,xi=<vec>
// Vectors are comma separated; a token without '=' continues the previous
// key's vector. Numbers also accept the names e and pi.
Shape parse_shape(const std::string& text);

// Dominating factors:
//   linear:gamma=<f> | power:c=<f>,alpha=<f>[,t0=<f>]
//   | tabulated:t=<vec>,h=<vec>
DominatingFactor parse_factor(const std::string& text);

// Key/value list "k=v,w,k2=v" -> {k: [v, w], k2: [v]}; throws
// std::invalid_argument on malformed input or repeated keys.
std::map<std::string, std::vector<double>> parse_keyvalues(const std::string& text);

double parse_number(const std::string& text);

// "RxA" or "RxA/sK" -> (radial, angular, stencil).
GridResolution parse_grid(const std::string& text);

}  // namespace ringmod

#endif  // RINGMOD_SPEC_PARSE_H_
