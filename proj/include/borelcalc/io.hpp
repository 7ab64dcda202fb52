#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "borelcalc/expfun.hpp"
#include "borelcalc/zeros.hpp"

namespace borelcalc::io {

/// "%.17g".
std::string format_double(double v);

// JSON formats (complex numbers as [re, im] pairs):
//   ExpPoly  {"atoms":[{"zeta":[re,im],"poly":[[re,im],...]}]}
//   Taylor   {"coeffs":[[re,im],...],"tau":t}
//   Symbol   {"coeffs":[[re,im],...]}
// Malformed documents throw BadFormat.
ExpPoly parse_exppoly(const std::string& text);
TaylorRep parse_taylor(const std::string& text);
std::vector<cx> parse_coeffs(const std::string& text);
std::string dump_exppoly(const ExpPoly& f);
std::string dump_taylor(const TaylorRep& f);

/// CSV with header `x,re,im`; x strictly increasing with uniform spacing
/// (relative tolerance 1e−9).
SampledSignal parse_samples_csv(const std::string& text);
void write_samples_csv(std::ostream& os, const SampledSignal& s);
void write_points_csv(std::ostream& os, const std::vector<double>& x, const std::vector<cx>& values);

/// CSV with header `re,im,multiplicity`.
void write_zeros_csv(std::ostream& os, const ZeroSet& Z);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace borelcalc::io
