/*
* Copyright (C) 2026 epicontrol contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef EPICONTROL_ERRORS_HPP
#define EPICONTROL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epicontrol
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A Runge-Kutta stage produced a non-finite value.
class IntegrationDiverged : public Error
{
public:
    explicit IntegrationDiverged(std::size_t node)
        : Error("integration diverged at node " + std::to_string(node))
        , m_node(node)
    {
    }

    std::size_t node() const noexcept
    {
        return m_node;
    }

private:
    std::size_t m_node;
};

class InconsistentPopulation : public Error
{
public:
    using Error::Error;
};

/// The number of control values does not match the strategy.
class StrategyArityError : public Error
{
public:
    using Error::Error;
};

class NoAdjointDefined : public Error
{
public:
    using Error::Error;
};

class GridMismatch : public Error
{
public:
    using Error::Error;
};

/// Invalid configuration value. field() names the offending key.
class ValidationError : public Error
{
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what)
        , m_field(std::move(field))
    {
    }

    const std::string& field() const noexcept
    {
        return m_field;
    }

private:
    std::string m_field;
};

class ComparisonIncompatible : public Error
{
public:
    using Error::Error;
};

} // namespace epicontrol

#endif // EPICONTROL_ERRORS_HPP
