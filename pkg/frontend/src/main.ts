import { TrialRunner } from './ui.js';

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('server') ?? '';
const agentId = params.get('agent') ?? 'anonymous';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app mount point');

const runner = new TrialRunner(root, baseUrl, { agentId });
void runner.start();
