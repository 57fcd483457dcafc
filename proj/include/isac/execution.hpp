// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace isac
{

// How a kernel runs. workers == 1 selects the serial reference path; anything
// larger selects the OpenMP path with that many threads. Work is split into
// fixed blocks combined in block order, so both paths agree bitwise.
struct Execution
{
    int workers = 1;

    bool parallel() const { return workers > 1; }
    static Execution serial() { return {1}; }
    static Execution threads(int n) { return {n < 1 ? 1 : n}; }
};

} // namespace isac
