#pragma once

// Plain-text system files for externally assembled FEM matrices.
//
//   # comment
//   kind: dynamics            (or heat)
//   n: 3
//   matrix K                  (then "row col value" triplets, 1-based)
//   1 1 2.0
//   matrix M
//   ...
//   input
//   f0: 0 0 1
//   model: sinusoid 6.283 -1 1 0 0
//
// Model lines: `constant v`, `exponential alpha x0`, `sinusoid omega xi1 xi2`.
// Every value may be replaced by a `lo hi` pair; the form is recognized by
// the token count. Duplicate triplets are summed.

#include "setprop/model.hpp"

#include <iosfwd>
#include <string>

namespace setprop {

SecondOrderSystem load_system(const std::string& path);
SecondOrderSystem parse_system(std::istream& in, const std::string& source = "<stream>");

/// Writes with 17 significant digits so a reload reproduces every entry.
/// Inputs must use one of the built-in models.
void save_system(const SecondOrderSystem& sys, const std::string& path);
void write_system(const SecondOrderSystem& sys, std::ostream& out);

}  // namespace setprop
