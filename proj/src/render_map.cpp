#include <string>

#include "scale/error.hpp"
#include "scale/experiment.hpp"

namespace scale {

const std::vector<std::array<std::uint8_t, 3>>& map_palette() {
    static const std::vector<std::array<std::uint8_t, 3>> palette = {
        {230, 25, 75},   {60, 180, 75},   {255, 225, 25},  {0, 130, 200},
        {245, 130, 48},  {145, 30, 180},  {70, 240, 240},  {240, 50, 230},
        {210, 245, 60},  {250, 190, 212}, {0, 128, 128},   {220, 190, 255},
        {170, 110, 40},  {255, 250, 200}, {128, 0, 0},     {170, 255, 195},
    };
    return palette;
}

std::optional<std::vector<std::uint8_t>> render_map(const std::vector<int>& predicted,
                                                    const std::optional<GridDims>& grid,
                                                    const std::vector<std::size_t>& pixel_index) {
    if (!grid) return std::nullopt;
    if (pixel_index.size() != predicted.size()) {
        throw ParameterError("cli", "pixel index map and predictions differ in length");
    }
    const std::string header =
        "P6\n" + std::to_string(grid->width) + " " + std::to_string(grid->height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    const std::size_t body = out.size();
    out.resize(body + 3 * grid->cells(), 0);
    const auto& palette = map_palette();
    for (std::size_t r = 0; r < predicted.size(); ++r) {
        if (predicted[r] <= 0) continue;
        if (pixel_index[r] >= grid->cells()) throw ParameterError("cli", "pixel index outside the grid");
        const auto& colour = palette[static_cast<std::size_t>(predicted[r] - 1) % palette.size()];
        std::copy(colour.begin(), colour.end(), out.begin() + static_cast<std::ptrdiff_t>(body + 3 * pixel_index[r]));
    }
    return out;
}

}  // namespace scale
