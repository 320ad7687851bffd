#include "vfcsim/mobility/trace.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace vfc {

MobilityTrace load_trace(std::istream& in, double mobility_step) {
    MobilityTrace trace;
    trace.mobility_step = mobility_step;
    std::string line;
    long line_no = 0;
    double last_time = -1.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double time = 0.0, x = 0.0, y = 0.0;
        std::string vid;
        if (!(ls >> time >> vid >> x >> y)) {
            throw TraceParseError("trace line " + std::to_string(line_no) + ": malformed record");
        }
        std::string extra;
        if (ls >> extra) {
            throw TraceParseError("trace line " + std::to_string(line_no) + ": trailing fields");
        }
        if (time + 1e-9 < last_time) {
            throw TraceParseError("trace line " + std::to_string(line_no) +
                                  ": out-of-order timestamp");
        }
        const double ratio = time / mobility_step;
        if (std::abs(ratio - std::round(ratio)) > 1e-6) {
            throw TraceParseError("trace line " + std::to_string(line_no) +
                                  ": timestamp is not a multiple of the mobility step");
        }
        last_time = time;
        trace.steps[static_cast<long>(std::llround(ratio))][vid] = Vec2{x, y};
    }
    return trace;
}

MobilityTrace load_trace_file(const std::string& path, double mobility_step) {
    std::ifstream f(path);
    if (!f) throw TraceParseError("cannot open trace file: " + path);
    return load_trace(f, mobility_step);
}

}  // namespace vfc
