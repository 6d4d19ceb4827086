#include "raimsim/atomcore/quantum_defects.hpp"
#include "raimsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace raimsim {

QuantumDefectTable::QuantumDefectTable(std::string species, std::vector<DefectChannel> channels, std::string version)
    : species_(std::move(species)), version_(std::move(version)), channels_(std::move(channels))
{
    n_min_ = channels_.empty() ? 1 : std::numeric_limits<int>::max();
    for (const auto& c : channels_) {
        if (c.l < 0 || c.two_j < 1 || std::abs(c.two_j - 2 * c.l) != 1)
            throw ConfigError("invalid quantum-defect channel l=" + std::to_string(c.l)
                              + " 2j=" + std::to_string(c.two_j));
        n_min_ = std::min(n_min_, c.n_min);
        max_l_ = std::max(max_l_, c.l);
    }
}

QuantumDefectTable QuantumDefectTable::rb87()
{
    return QuantumDefectTable("Rb87",
                              {
                                  {0, 1, 3.1311804, 0.1784, 5},
                                  {1, 1, 2.6548849, 0.2900, 5},
                                  {1, 3, 2.6416737, 0.2950, 5},
                                  {2, 3, 1.34809171, -0.60286, 5},
                                  {2, 5, 1.34646572, -0.59600, 5},
                                  {3, 5, 0.0165192, -0.085, 5},
                                  {3, 7, 0.0165437, -0.086, 5},
                                  {4, 7, 0.004, 0.0, 5},
                                  {4, 9, 0.004, 0.0, 5},
                              },
                              "rb87-2024.1");
}

QuantumDefectTable QuantumDefectTable::hydrogen() { return QuantumDefectTable("H", {}, "hydrogenic"); }

namespace {

int parse_two_j(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            int num = std::stoi(s.substr(0, slash));
            int den = std::stoi(s.substr(slash + 1));
            if (den == 2)
                return num;
            if (den == 1)
                return 2 * num;
        } else {
            double v = std::stod(s);
            double t = 2.0 * v;
            if (std::abs(t - std::round(t)) < 1e-9)
                return static_cast<int>(std::lround(t));
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("cannot parse j value '" + s + "'");
}

} // namespace

QuantumDefectTable QuantumDefectTable::parse(std::istream& in, const std::string& species, const std::string& source)
{
    std::vector<DefectChannel> channels;
    std::string version;
    std::string found_species;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::string comment = line.substr(hash + 1);
            auto key = comment.find("version:");
            if (key != std::string::npos) {
                std::istringstream vs(comment.substr(key + 8));
                vs >> version;
            }
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string sp, jstr;
        DefectChannel c;
        if (!(ls >> sp))
            continue;
        if (!(ls >> c.l >> jstr >> c.delta0 >> c.delta2 >> c.n_min))
            throw ConfigError(source + ":" + std::to_string(lineno)
                              + ": expected 'species l j delta0 delta2 n_min'");
        std::string extra;
        if (ls >> extra)
            throw ConfigError(source + ":" + std::to_string(lineno) + ": trailing field '" + extra + "'");
        if (!species.empty() && sp != species)
            continue;
        if (!found_species.empty() && sp != found_species)
            throw ConfigError(source + ":" + std::to_string(lineno)
                              + ": several species in table; select one explicitly");
        found_species = sp;
        try {
            c.two_j = parse_two_j(jstr);
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (c.delta0 < 0.0)
            throw ConfigError(source + ":" + std::to_string(lineno) + ": negative quantum defect");
        channels.push_back(c);
    }
    if (channels.empty())
        throw ConfigError(source + ": no quantum-defect rows"
                          + (species.empty() ? std::string() : " for species " + species));
    return QuantumDefectTable(found_species, std::move(channels), version);
}

QuantumDefectTable QuantumDefectTable::load(const std::string& path, const std::string& species)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open quantum-defect table: " + path);
    return parse(in, species, path);
}

const DefectChannel* QuantumDefectTable::channel(int l, int two_j) const
{
    for (const auto& c : channels_)
        if (c.l == l && c.two_j == two_j)
            return &c;
    return nullptr;
}

double QuantumDefectTable::delta(int n, int l, int two_j) const
{
    const DefectChannel* c = channel(l, two_j);
    if (!c)
        return 0.0;
    double x = n - c->delta0;
    return c->delta0 + c->delta2 / (x * x);
}

} // namespace raimsim
