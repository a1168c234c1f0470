// SPDX-License-Identifier: Apache-2.0
//
// vlcnoma - NOMA evaluation for VLC downlinks with randomly oriented receivers
// Copyright (C) 2026 The vlcnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef VLCNOMA_ERRORS_HPP
#define VLCNOMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vlcnoma
{

// Out-of-range model or configuration parameter.
class InvalidParameter : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature did not reach the requested tolerance. Carries the best estimate.
class NumericFailure : public std::runtime_error
{
public:
    NumericFailure(const std::string &what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

// A conditioning event has probability zero (e.g. an empty user group).
class DegenerateCondition : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

} // namespace vlcnoma

#endif
