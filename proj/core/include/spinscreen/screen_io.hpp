#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "spinscreen/geometry.hpp"
#include "spinscreen/screen.hpp"
#include "spinscreen/semiclassics.hpp"

namespace spinscreen {

std::string_view version() noexcept;

enum class Format { Csv, Json };

std::optional<Format> parse_format(std::string_view name) noexcept;
std::string_view extension(Format f) noexcept;

/// Doubles are written with 17 significant digits so a read reproduces the
/// grid exactly. Output depends only on the screen contents.
///
/// CSV: "# key=value" header lines, then "two_x,two_y,u" rows, y outer.
void write_screen(std::ostream& os, const Screen& s, Format f);
/// Throws InvalidArgument on malformed input.
Screen read_screen(std::istream& is, Format f);

/// Caustic curves as JSON arrays of [X, Y] in shifted coordinates.
void write_caustics(std::ostream& os, const ScreenParams& p, const CausticData& c);
/// Ridge curves as JSON arrays of [X, Y], plus [X, V_max].
void write_ridges(std::ostream& os, const ScreenParams& p, const CausticData& c);
/// W± over the x lattice for both p̄ definitions.
void write_potentials(std::ostream& os, const ScreenParams& p, Format f);
/// cos θ₃ (X′ = X) at every lattice point; undefined points are written as
/// empty fields (CSV) or null (JSON).
void write_cos_theta3(std::ostream& os, const ScreenParams& p, Format f);
void write_pr_compare(std::ostream& os, const ScreenParams& p, const PRComparison& c, Format f);

}  // namespace spinscreen
