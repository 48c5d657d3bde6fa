#pragma once

#include <array>
#include <string_view>

namespace expograph {

// "hsv": hue by root index, brightness falls off with iteration count.
// "hsv_flat": hue by root index at full brightness.
inline constexpr std::array<std::string_view, 2> kPalettes{"hsv", "hsv_flat"};

/// Iteration count at which shaded palettes reach zero brightness.
inline constexpr int kShadeCap = 64;

inline bool is_known_palette(std::string_view id) noexcept
{
    for (auto p : kPalettes)
        if (p == id)
            return true;
    return false;
}

} // namespace expograph
