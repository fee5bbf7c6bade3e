#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pmod/bridge.hpp"
#include "pmod/interleave.hpp"
#include "pmod/module.hpp"

namespace pmod::io {

// Line-oriented text formats. Writers always emit the canonical form
// (lowest-terms rationals, sorted bars, maps in grid order, certificates
// with inline modules), so parse ∘ serialize is the identity on writer
// output. Blank lines and lines starting with '#' are ignored by readers.
//
//   pmod v1 | field <p> | kind real|nat | grid <r>… | dims <d>… | map <i> <r>x<c> [a b; c d]…
//   barcode v1 | kind real|nat | <birth> <death|inf> <mult>…
//   grmod v1 | field <p> | gens <e>… | rel <degree> [c…]…
//   cert v1 | epsilon <r> | kind strong / kind weak <x0> | source … | target … |
//       mapf | cellgrid <s>… | block <k> <r>x<c> […]… | mapg | …
//
// Certificate endpoints are either `source <path>` (relative to the
// certificate's directory) or `source inline` followed by a module and `end`.

enum class FileKind { module, barcode, presentation, certificate };

/// From the header line. ParseError on anything else.
FileKind sniff(std::string_view text);

std::string serialize(const TameModule& m);
std::string serialize(const Barcode& bc);
std::string serialize(const GradedPresentation& pres);
std::string serialize(const InterleavingCertificate& cert);

TameModule parse_module(std::string_view text);
Barcode parse_barcode(std::string_view text);
GradedPresentation parse_presentation(std::string_view text);
InterleavingCertificate parse_certificate(std::string_view text, const std::filesystem::path& base_dir = {});

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace pmod::io
