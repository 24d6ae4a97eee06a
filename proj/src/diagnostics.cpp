namespace pfec { namespace { [[maybe_unused]] int placeholder_diagnostics = 0; } }
