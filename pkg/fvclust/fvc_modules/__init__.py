"""Internal layers of fvclust: types, numeric modules, formats, io_ops, commands."""
