#pragma once

#include <stdexcept>
#include <string>

namespace ptower {

struct cycle_error : std::runtime_error {
    explicit cycle_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct redundant_edge_error : std::runtime_error {
    explicit redundant_edge_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct unknown_node_error : std::runtime_error {
    explicit unknown_node_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct face_closure_error : std::runtime_error {
    explicit face_closure_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct duplicate_event_error : std::runtime_error {
    explicit duplicate_event_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct dimension_mismatch : std::runtime_error {
    explicit dimension_mismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct grading_error : std::runtime_error {
    explicit grading_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct boundary_face_missing : std::runtime_error {
    explicit boundary_face_missing(const std::string& msg) : std::runtime_error(msg) {}
};

struct not_a_tree : std::runtime_error {
    explicit not_a_tree(const std::string& msg) : std::runtime_error(msg) {}
};

struct inconsistent_system : std::runtime_error {
    explicit inconsistent_system(const std::string& msg) : std::runtime_error(msg) {}
};

struct missing_relrel : std::runtime_error {
    explicit missing_relrel(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_, const std::string& msg)
        : std::runtime_error("parse error at line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

struct invalid_tower_error : std::runtime_error {
    explicit invalid_tower_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ptower
