#include "hapnav/condition.hpp"

namespace hapnav {

std::array<Condition, 8> strategy_combos(Layout layout) {
    std::array<Condition, 8> out{};
    int i = 0;
    for (Approach a : {Approach::TwoTactor, Approach::WorstAxis}) {
        for (Metaphor m : {Metaphor::Push, Metaphor::Pull}) {
            for (IntensityMode im : {IntensityMode::Linear, IntensityMode::Zone}) {
                out[i++] = Condition{layout, a, m, im};
            }
        }
    }
    return out;
}

int strategy_index(const Condition& c) {
    return (c.approach == Approach::WorstAxis ? 4 : 0) + (c.metaphor == Metaphor::Pull ? 2 : 0) +
           (c.intensity == IntensityMode::Zone ? 1 : 0);
}

std::string_view to_string(Layout v) noexcept {
    return v == Layout::Horizontal ? "horizontal" : "vertical";
}
std::string_view to_string(Approach v) noexcept {
    return v == Approach::TwoTactor ? "two_tactor" : "worst_axis";
}
std::string_view to_string(Metaphor v) noexcept { return v == Metaphor::Push ? "push" : "pull"; }
std::string_view to_string(IntensityMode v) noexcept {
    return v == IntensityMode::Linear ? "linear" : "zone";
}

std::optional<Layout> parse_layout(std::string_view s) {
    if (s == "horizontal") return Layout::Horizontal;
    if (s == "vertical") return Layout::Vertical;
    return std::nullopt;
}
std::optional<Approach> parse_approach(std::string_view s) {
    if (s == "two_tactor") return Approach::TwoTactor;
    if (s == "worst_axis") return Approach::WorstAxis;
    return std::nullopt;
}
std::optional<Metaphor> parse_metaphor(std::string_view s) {
    if (s == "push") return Metaphor::Push;
    if (s == "pull") return Metaphor::Pull;
    return std::nullopt;
}
std::optional<IntensityMode> parse_intensity(std::string_view s) {
    if (s == "linear") return IntensityMode::Linear;
    if (s == "zone") return IntensityMode::Zone;
    return std::nullopt;
}

std::string describe(const Condition& c) {
    std::string out;
    out.append(to_string(c.layout)).append("/");
    out.append(to_string(c.approach)).append("/");
    out.append(to_string(c.metaphor)).append("/");
    out.append(to_string(c.intensity));
    return out;
}

}  // namespace hapnav
