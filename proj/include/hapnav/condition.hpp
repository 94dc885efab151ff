#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hapnav/geometry.hpp"

namespace hapnav {

enum class Layout : std::uint8_t { Horizontal, Vertical };
enum class Metaphor : std::uint8_t { Push, Pull };
enum class IntensityMode : std::uint8_t { Linear, Zone };

/// One cell of the 2 (layout) x 2 x 2 x 2 design.
struct Condition {
    Layout layout = Layout::Horizontal;
    Approach approach = Approach::WorstAxis;
    Metaphor metaphor = Metaphor::Pull;
    IntensityMode intensity = IntensityMode::Linear;

    bool operator==(const Condition&) const = default;
};

/// The eight (approach, metaphor, intensity) strategy combinations in a fixed order.
std::array<Condition, 8> strategy_combos(Layout layout);

/// Position of the strategy part of `c` inside strategy_combos(), 0..7.
int strategy_index(const Condition& c);

std::string_view to_string(Layout v) noexcept;
std::string_view to_string(Approach v) noexcept;
std::string_view to_string(Metaphor v) noexcept;
std::string_view to_string(IntensityMode v) noexcept;

std::optional<Layout> parse_layout(std::string_view s);
std::optional<Approach> parse_approach(std::string_view s);
std::optional<Metaphor> parse_metaphor(std::string_view s);
std::optional<IntensityMode> parse_intensity(std::string_view s);

/// "horizontal/worst_axis/pull/linear"
std::string describe(const Condition& c);

}  // namespace hapnav
