#ifndef ORBCAT_REPORT_HPP
#define ORBCAT_REPORT_HPP

#include <string>
#include <vector>

namespace orbcat {

struct CheckLine {
    std::string key;
    std::string anchor;
    double residual{0.0};
    double tol{0.0};
    bool pass{false};
    std::string note;
};

struct CheckReport {
    std::string title;
    std::vector<CheckLine> lines;

    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    double worst() const {
        double w = 0.0;
        for (const auto& l : lines) w = std::max(w, l.residual);
        return w;
    }
    void add(const std::string& key, const std::string& anchor, double residual, double tol,
             const std::string& note = "") {
        lines.push_back({key, anchor, residual, tol, residual <= tol, note});
    }
    void add_flag(const std::string& key, const std::string& anchor, bool ok,
                  const std::string& note = "") {
        lines.push_back({key, anchor, ok ? 0.0 : 1.0, 0.0, ok, note});
    }
};

} // namespace orbcat

#endif
