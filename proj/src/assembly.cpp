namespace pfec { namespace { [[maybe_unused]] int placeholder_assembly = 0; } }
