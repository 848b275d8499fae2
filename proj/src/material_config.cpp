#include "casimir/material_config.hpp"

#include "casimir/constants.hpp"

#include <charconv>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace casimir
{
    namespace
    {
        enum class Dimension
        {
            AngularFrequency,
            Velocity,
            Temperature,
            Resistivity,
            ElectronCoefficient,
            PhononCoefficient,
            Dimensionless,
            Text
        };

        const std::map<std::string, Dimension, std::less<>> &field_dimensions()
        {
            static const std::map<std::string, Dimension, std::less<>> table = {
                {"name", Dimension::Text},
                {"omega_p", Dimension::AngularFrequency},
                {"omega_tau_ref", Dimension::AngularFrequency},
                {"omega_tau_0", Dimension::AngularFrequency},
                {"T0", Dimension::Temperature},
                {"T_D", Dimension::Temperature},
                {"C_e", Dimension::ElectronCoefficient},
                {"C_ph", Dimension::PhononCoefficient},
                {"v_F", Dimension::Velocity},
                {"beta", Dimension::Dimensionless},
                {"rho_ref", Dimension::Resistivity},
            };
            return table;
        }

        std::string_view trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        double parse_number(std::string_view text, std::string_view field, std::string_view source, int line)
        {
            double value = 0.0;
            const auto *first = text.data();
            const auto *last = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last)
                throw std::invalid_argument(
                    fmt::format("{}:{}: field '{}': cannot parse '{}' as a number", source, line, field, text));
            return value;
        }
    } // namespace

    double unit_factor(std::string_view field, std::string_view unit)
    {
        const auto &dims = field_dimensions();
        auto it = dims.find(field);
        if (it == dims.end())
            throw std::invalid_argument(fmt::format("unknown material field '{}' in [units]", field));
        switch (it->second) {
        case Dimension::AngularFrequency:
            if (unit == "rad/s")
                return 1.0;
            if (unit == "eV")
                return 1.602176634e-19 / kHbar;
            break;
        case Dimension::Velocity:
            if (unit == "m/s")
                return 1.0;
            if (unit == "cm/s")
                return 1e-2;
            break;
        case Dimension::Temperature:
            if (unit == "K")
                return 1.0;
            break;
        case Dimension::Resistivity:
            if (unit == "Ohm*m")
                return 1.0;
            if (unit == "Ohm*cm")
                return 1e-2;
            if (unit == "uOhm*cm" || unit == "muOhm*cm")
                return 1e-8;
            break;
        case Dimension::ElectronCoefficient:
            if (unit == "rad/s/K^2")
                return 1.0;
            break;
        case Dimension::PhononCoefficient:
            if (unit == "rad/s/K^5")
                return 1.0;
            break;
        case Dimension::Dimensionless:
            if (unit == "1")
                return 1.0;
            break;
        case Dimension::Text:
            break;
        }
        throw std::invalid_argument(fmt::format("field '{}': unsupported unit '{}'", field, unit));
    }

    MaterialParams parse_material_config(std::string_view text, std::string_view source)
    {
        std::map<std::string, std::pair<std::string, int>, std::less<>> values;
        std::map<std::string, std::string, std::less<>> units;
        std::string section;

        std::istringstream in{std::string(text)};
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view line = raw;
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw std::invalid_argument(fmt::format("{}:{}: malformed section header", source, line_no));
                section = std::string(trim(line.substr(1, line.size() - 2)));
                if (section != "units")
                    throw std::invalid_argument(fmt::format("{}:{}: unknown section '{}'", source, line_no, section));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw std::invalid_argument(fmt::format("{}:{}: expected 'key = value'", source, line_no));
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (!field_dimensions().contains(key))
                throw std::invalid_argument(fmt::format("{}:{}: unknown material field '{}'", source, line_no, key));
            if (value.empty())
                throw std::invalid_argument(fmt::format("{}:{}: field '{}' has no value", source, line_no, key));
            if (section == "units")
                units[key] = value;
            else
                values[key] = {value, line_no};
        }

        for (const char *required : {"omega_p", "v_F", "T_D"})
            if (!values.contains(required))
                throw std::invalid_argument(fmt::format("{}: missing required field '{}'", source, required));

        MaterialParams m;
        auto number = [&](std::string_view key) -> std::optional<double> {
            auto it = values.find(key);
            if (it == values.end())
                return std::nullopt;
            double v = parse_number(it->second.first, key, source, it->second.second);
            if (auto u = units.find(key); u != units.end())
                v *= unit_factor(key, u->second);
            return v;
        };

        if (auto it = values.find("name"); it != values.end())
            m.name = it->second.first;
        m.omega_p = *number("omega_p");
        m.v_F = *number("v_F");
        m.T_D = *number("T_D");
        m.omega_tau_ref = number("omega_tau_ref");
        m.rho_ref = number("rho_ref");
        if (auto v = number("T0"))
            m.T0 = *v;
        if (auto v = number("omega_tau_0"))
            m.omega_tau_0 = *v;
        if (auto v = number("C_e"))
            m.C_e = *v;
        if (auto v = number("C_ph"))
            m.C_ph = *v;
        if (auto v = number("beta"))
            m.beta = *v;
        for (const auto &[key, unit] : units)
            if (key != "name")
                (void)unit_factor(key, unit);

        m.validate();
        return m;
    }

    MaterialParams load_material_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument(fmt::format("cannot open material config '{}'", path.string()));
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_material_config(buf.str(), path.string());
    }

    std::filesystem::path resolve_material_path(std::string_view name_or_path)
    {
        std::filesystem::path p{std::string(name_or_path)};
        if (std::filesystem::exists(p))
            return p;
        std::filesystem::path dir = CASIMIR_DEFAULT_MATERIAL_DIR;
        if (const char *env = std::getenv(kMaterialDirEnv); env && *env)
            dir = env;
        auto candidate = dir / p;
        if (!candidate.has_extension())
            candidate += ".cfg";
        if (std::filesystem::exists(candidate))
            return candidate;
        throw std::invalid_argument(
            fmt::format("material '{}' not found (looked in '{}')", name_or_path, dir.string()));
    }
} // namespace casimir
