#pragma once

#include "tempered/almost_periodic.hpp"
#include "tempered/crystal.hpp"
#include "tempered/distribution.hpp"
#include "tempered/hypotheses.hpp"
#include "tempered/pointset.hpp"
#include "tempered/spectrum.hpp"

#include <iosfwd>
#include <string>

namespace tempered {

// JSON documents. Every document carries a "type" field; readers throw
// "parse-error" on malformed input. Writing what was read reproduces the
// input byte for byte once it has been through one write.

std::string to_json(const GeneratorSum& f);
std::string to_json(const TestFunction& phi);
std::string to_json(const PointSet& a);
std::string to_json(const Lattice& l);
/// "crystal" document on success, "not-crystal" otherwise.
std::string to_json(const CrystalDetection& d);
std::string to_json(const SpectralDistribution& F);
std::string to_json(const HypothesisReport& r);
std::string to_json(const AlmostPeriodReport& r);

GeneratorSum distribution_from_json(const std::string& text);
TestFunction test_function_from_json(const std::string& text);
PointSet point_set_from_json(const std::string& text);
Lattice lattice_from_json(const std::string& text);
CrystalDetection detection_from_json(const std::string& text);
SpectralDistribution spectral_from_json(const std::string& text);

/// The "type" field of a document.
std::string document_type(const std::string& text);

/// |q_gamma| table for |gamma| < radius: gamma coords, j index, re, im, abs.
void write_spectrum_csv(std::ostream& out, const SpectralDistribution& F, double radius);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace tempered
