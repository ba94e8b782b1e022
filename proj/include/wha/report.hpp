#pragma once

#include <string>
#include <vector>

namespace wha {

struct CheckEntry {
    std::string name;
    double residual = 0.0;
    bool pass = false;
};

// Ordered list of named residual checks.
struct Report {
    std::vector<CheckEntry> entries;

    void add(const std::string& name, double residual, double tol)
    {
        entries.push_back({name, residual, residual < tol});
    }
    void flag(const std::string& name, bool pass) { entries.push_back({name, pass ? 0.0 : 1.0, pass}); }
    void merge(const Report& other, const std::string& prefix = "")
    {
        for (const auto& e : other.entries) entries.push_back({prefix + e.name, e.residual, e.pass});
    }
    bool ok() const
    {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
    const CheckEntry* find(const std::string& name) const
    {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
    double worst() const
    {
        double w = 0.0;
        for (const auto& e : entries) w = e.residual > w ? e.residual : w;
        return w;
    }
    std::vector<std::string> failures() const
    {
        std::vector<std::string> out;
        for (const auto& e : entries)
            if (!e.pass) out.push_back(e.name);
        return out;
    }
};

}  // namespace wha
