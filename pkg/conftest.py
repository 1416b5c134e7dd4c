from allennlp.common.util import import_module_and_submodules

import_module_and_submodules("rieszkit")
