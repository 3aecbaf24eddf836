#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netmode/types.hpp"

namespace netmode {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::int64_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::int64_t line() const { return line_; }

private:
    std::int64_t line_;
};

class DuplicateEdge : public Error {
public:
    DuplicateEdge(const std::string& what, std::int64_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::int64_t line() const { return line_; }

private:
    std::int64_t line_;
};

class EdgeNotFound : public Error {
public:
    using Error::Error;
};

class EdgeAlreadyExists : public Error {
public:
    using Error::Error;
};

class EmptyGraph : public Error {
public:
    using Error::Error;
};

class InvalidMatching : public Error {
public:
    explicit InvalidMatching(const std::string& what) : Error(what) {}

    InvalidMatching(const std::string& what, std::pair<NodeId, NodeId> pair)
        : Error(what + " [pair (" + std::to_string(pair.first) + "," +
                std::to_string(pair.second) + ")]"),
          pair_(pair),
          has_pair_(true) {}

    bool has_pair() const { return has_pair_; }
    std::pair<NodeId, NodeId> pair() const { return pair_; }

private:
    std::pair<NodeId, NodeId> pair_{kNoNode, kNoNode};
    bool has_pair_ = false;
};

class NotADriver : public Error {
public:
    using Error::Error;
};

class NoInputComponent : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class ConfigInvalid : public Error {
public:
    using Error::Error;
};

class SaturationFailure : public Error {
public:
    using Error::Error;
};

class PostConditionViolation : public Error {
public:
    PostConditionViolation(const std::string& what, std::vector<NodeId> nodes)
        : Error(what), nodes_(std::move(nodes)) {}

    const std::vector<NodeId>& nodes() const { return nodes_; }

private:
    std::vector<NodeId> nodes_;
};

class MismatchedGraphs : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace netmode
