# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
File-related utilities.
"""
import os


def _splitExtension(fileName):
    """
    (basename, extension) with the extension starting at the last '.'.
    """
    extIndex = fileName.rfind('.')
    if extIndex <= 0:
        return fileName, ''
    return fileName[:extIndex], fileName[extIndex:]


##
# @param fileName File where a spec will be written.
# @return A file name that does not exist yet, as similar to fileName as possible
#         (adds "(1)", "(2)", etc. before the extension).
def getUniqueFileName(fileName):
    folder = os.path.dirname(fileName)
    basename, extension = _splitExtension(os.path.basename(fileName))
    candidate = fileName
    while os.path.exists(candidate):
        leftSep = basename.rfind('(')
        rightSep = basename.rfind(')')
        index = None
        if leftSep != -1 and rightSep == len(basename) - 1:
            try:
                index = int(basename[leftSep + 1:rightSep])
            except ValueError:
                index = None
        if index is None:
            basename += '(1)'
        else:
            basename = '%s(%d)' % (basename[:leftSep], index + 1)
        candidate = os.path.join(folder, basename + extension)
    return candidate
