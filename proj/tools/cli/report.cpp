#include "cli/report.hpp"

#include <ostream>

namespace shuffle_lab::cli {

namespace {

bool is_flat(const Json& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j) {
        if (e.is_structured()) return false;
    }
    return true;
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string inline_array(const Json& j) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar(j[i]);
    return s + "]";
}

void write(std::ostream& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_structured() && !is_flat(value)) {
                out << pad << key << ":\n";
                write(out, value, indent + 2);
            } else if (value.is_array()) {
                out << pad << key << ": " << inline_array(value) << '\n';
            } else {
                out << pad << key << ": " << scalar(value) << '\n';
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (is_flat(e)) {
                out << pad << "- " << inline_array(e) << '\n';
            } else if (e.is_structured()) {
                out << pad << "-\n";
                write(out, e, indent + 2);
            } else {
                out << pad << "- " << scalar(e) << '\n';
            }
        }
    } else {
        out << pad << scalar(j) << '\n';
    }
}

}  // namespace

void write_text(std::ostream& out, const Json& report) { write(out, report, 0); }

}  // namespace shuffle_lab::cli
