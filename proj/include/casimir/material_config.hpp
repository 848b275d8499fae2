#pragma once

#include "casimir/materials.hpp"

#include <filesystem>
#include <string_view>

namespace casimir
{
    /// Parses a material description:
    ///
    ///     # comment
    ///     name    = gold
    ///     omega_p = 1.37e16
    ///     v_F     = 1.4e8
    ///     [units]
    ///     v_F     = cm/s
    ///
    /// Keys are the MaterialParams field names. Values are SI unless the
    /// optional [units] section names another unit for that field.
    /// omega_p, v_F and T_D are required. Errors name the offending field.
    MaterialParams parse_material_config(std::string_view text, std::string_view source = "<string>");

    MaterialParams load_material_config(const std::filesystem::path &path);

    /// Environment variable holding the default material directory.
    inline constexpr const char *kMaterialDirEnv = "CASIMIR_MATERIAL_DIR";

    /// An existing path is returned unchanged. A bare name such as "gold"
    /// is looked up as <dir>/<name>.cfg, where dir comes from
    /// CASIMIR_MATERIAL_DIR or falls back to the in-repo data directory.
    std::filesystem::path resolve_material_path(std::string_view name_or_path);

    /// Factor converting a value in `unit` to SI for the given field.
    double unit_factor(std::string_view field, std::string_view unit);
} // namespace casimir
