// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dsflow {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Flow-graph construction and validation failures.
class GraphError : public Error {
  public:
    enum class Kind {
        SelfLoop,
        DuplicateEdge,
        UnreachableNode,
        NoPathToExit,
        EmptyExits,
        ExitHasSuccessors,
        InvalidNode,
    };

    GraphError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

/// Def/use annotation problems (e.g. querying a variable not defined at a node).
class AnnotationError : public Error {
  public:
    using Error::Error;
};

/// Set operation between two sets with different universe sizes.
class UniverseMismatch : public Error {
  public:
    using Error::Error;
};

/// Invalid path handed to the path-simulation oracle.
class PathError : public Error {
  public:
    using Error::Error;
};

/// Lexical/syntactic failure in an input document. Positions are 1-based.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(what), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Structurally valid document that violates the schema. Carries the
/// path of the offending field, e.g. "$.defs.9".
class SchemaError : public Error {
  public:
    SchemaError(std::string field_path, const std::string& what)
        : Error(what), field_path_(std::move(field_path)) {}
    const std::string& field_path() const { return field_path_; }

  private:
    std::string field_path_;
};

} // namespace dsflow
